# Generated by Django 5.1.6 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='AnalysisRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(blank=True, max_length=200)),
                ('checksum', models.CharField(max_length=64)),
                ('cap', models.PositiveIntegerField()),
                ('report_version', models.CharField(max_length=20)),
                ('status', models.CharField(choices=[('completed', 'Completed'), ('rejected', 'Input rejected'), ('internal_error', 'Internal error')], default='completed', max_length=20)),
                ('is_cy', models.BooleanField(blank=True, null=True)),
                ('gldim', models.PositiveIntegerField(blank=True, null=True)),
                ('rejected_stage', models.CharField(blank=True, max_length=40)),
                ('report', models.TextField()),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['-updated_at'],
                'unique_together': {('checksum', 'cap', 'report_version')},
            },
        ),
    ]
